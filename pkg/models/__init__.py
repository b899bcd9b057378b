"""Value objects shared across services and handlers."""
