"""liquilens.

Modeling and analysis toolkit for liquid-filled variable-focus plano-convex lenses.
"""
