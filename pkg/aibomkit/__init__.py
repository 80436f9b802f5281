"""
aibomkit: SPDX 3.0 AI and Dataset profile toolkit.

Read, validate, write and assess AI bills of materials.
"""

__version__ = "0.1.0"
