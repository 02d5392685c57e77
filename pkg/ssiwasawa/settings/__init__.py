"""Settings management for ssiwasawa."""
