# Dense simplex solver and the linear programming bounds built on it
