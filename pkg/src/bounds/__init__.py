# Theta function, limit bounds and explicit spherical codes
