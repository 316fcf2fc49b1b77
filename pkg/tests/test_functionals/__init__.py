# Functionals domain tests
