"""Figure scripts for spinbath sweep output.

Pure CSV consumers: no physics is recomputed here. Each figN module renders
one image from a sweep CSV written by the spinbath command-line tool.
"""

__version__ = "0.1.0"
