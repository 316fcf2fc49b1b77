# Solver domain tests
