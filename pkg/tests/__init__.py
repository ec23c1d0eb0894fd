"""Tests for the npstrata package."""
