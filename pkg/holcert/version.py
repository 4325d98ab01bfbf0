r"""
File that acts as a sole-source for version history.

Notes
-----
#.  Written by David C. Stauffer in February 2022.
#.  Restarted for the holcert library.
"""

# %% Constants
version_info = (0, 3, 0)

# Below is data about the minor release history for potential use in deprecating older support.
# For inspiration, see: https://numpy.org/neps/nep-0029-deprecation_policy.html

data = """Jun 02, 2026: holcert 0.1
Aug 21, 2026: holcert 0.2
Oct 17, 2026: holcert 0.3
"""

# Historical notes:
# v0.1 Exact metric, Christoffel symbols and curvature tower with the holonomy span.
# v0.2 Named check catalogue with witnesses, JSON and text reports.
# v0.3 Floating point oracle with loop transport, permutation and corrupted metric controls.
