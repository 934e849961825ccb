"""Packaged data: the default calibrated catalog."""
