"""Text splitting and rendering"""
