from __future__ import unicode_literals

__version__ = "0.1.0"
