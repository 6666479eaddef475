"""Tests for the sampling package."""
