"""
Verification suites and reports
"""
