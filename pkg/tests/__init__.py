"""Tests package for codebounds."""
