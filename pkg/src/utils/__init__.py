# Shared helpers: configuration, console output, errors
