"""Word problems in a Clifford-type HNN extension and a lab for approximate representations."""

__version__ = "0.1.0"
