# theta-bounds - certified chromatic number and spherical code bounds

__version__ = "1.0.0"
