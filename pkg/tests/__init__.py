# Tests package for lpmkit
# unittest-based tests; property tests use hypothesis
