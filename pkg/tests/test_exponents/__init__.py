# Exponents domain tests
