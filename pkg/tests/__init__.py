"""Test package for MCP Fleet"""
