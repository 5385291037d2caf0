"""Test suite for zici"""
