"""
fockfn command line
"""
