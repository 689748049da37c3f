"""
Driving the command line from Python
====================================

The same calls work as `polarspaces census --space sp(2,2)` in a shell.
"""
from polarspaces.cli import main

main(["census", "--space", "sp(2,2)"])
main(["verify", "--space", "parabolic(3)", "--suite", "RA", "--suite", "3G", "--format", "csv"])
main(["sweep", "--template", "sp(n,q)", "--param", "n=1-2", "--param", "q=2,3", "--format", "csv"])
