# Verifier domain tests
