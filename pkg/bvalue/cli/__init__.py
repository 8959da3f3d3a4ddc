"""
Command-line interface of the ``bvalue`` tool.
"""
