"""Command line front end for ssiwasawa."""
