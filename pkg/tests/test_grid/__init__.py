# Grid domain tests
