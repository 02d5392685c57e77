"""The verification suite behind ``ssiwasawa verify``."""
