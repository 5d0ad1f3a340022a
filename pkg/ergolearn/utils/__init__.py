"""Utilities package for all common ergolearn modules.
"""
