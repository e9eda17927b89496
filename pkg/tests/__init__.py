# Tests package for zslab
