"""gaugekit - numerical checks for classical gauge theory."""

__version__ = "0.1.0"
