# Monitor domain tests
