"""Experiment framework for convergence and conditioning studies."""
