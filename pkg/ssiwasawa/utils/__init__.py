"""Utility modules for ssiwasawa."""
