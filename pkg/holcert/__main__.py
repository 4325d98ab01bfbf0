r"""
Python script wrapper to run the holcert command line interface.

Notes
-----
#.  Written by David C. Stauffer in March 2020.
#.  Adapted for the holcert library.
"""

# %% Imports
from holcert import main

# %% Parse arguments (and will execute from there)
rc = main()
