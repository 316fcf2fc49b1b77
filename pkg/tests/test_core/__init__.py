# Core domain tests
