"""Top level of tests. Contains unit and functional tests"""
