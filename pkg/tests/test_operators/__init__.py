# Operators domain tests
