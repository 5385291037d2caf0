"""Dictionary coverage and segmentation scoring"""
