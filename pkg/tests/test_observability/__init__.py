"""Tests for the observability module."""
