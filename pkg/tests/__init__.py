# Test package for logdiv
