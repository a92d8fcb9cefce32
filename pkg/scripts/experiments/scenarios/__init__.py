"""Registered experiments, one module per study family."""
