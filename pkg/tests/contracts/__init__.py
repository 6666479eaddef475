"""Tests for the contracts package."""
