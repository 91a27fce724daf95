# Command implementations and output formatting
