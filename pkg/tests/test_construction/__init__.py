"""Tests for the construction package."""
