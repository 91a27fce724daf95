# Special functions: gamma, Jacobi polynomials, Bessel functions
