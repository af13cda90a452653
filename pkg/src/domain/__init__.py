"""Domain layer: value types, exceptions and computational services."""
