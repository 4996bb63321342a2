"""fcnet - community detection on signed functional-connectivity graphs"""

__version__ = "1.0.0"
