"""Tests for the measure package."""
