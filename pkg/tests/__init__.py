"""fadecap test suite"""
