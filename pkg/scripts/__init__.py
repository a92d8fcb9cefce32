"""
Offline scripts around the pcedep library.

This package contains:
- The pce-dep command line (run, report, leja, nataf-corr)
- Registered experiments and their CSV/JSON result handling
"""
