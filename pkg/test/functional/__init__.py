"""Functional tests -- slower end to end reproductions of the published results"""
