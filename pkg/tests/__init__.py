"""fcnet test suite"""
