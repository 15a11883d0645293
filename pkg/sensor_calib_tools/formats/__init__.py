"""
File formats for Sensor Calibration Tools.
"""
