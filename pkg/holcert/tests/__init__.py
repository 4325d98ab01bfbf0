r"""
Full test suite of the "holcert" library based on the Python `unittest` library.

Notes
-----
#.  Run with pytest, or through "holcert tests".
"""

# %% Imports
# None

# %% Unit test
if __name__ == "__main__":
    pass
