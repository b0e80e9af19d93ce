"""Executable finite-stage models: Scott domains, the D-infinity tower, cell groupoids and proof paths."""
