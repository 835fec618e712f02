"""
python -m holonomy2
"""

from holonomy2.cli import entry_point

entry_point()
