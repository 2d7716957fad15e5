"""Dependency Injection module"""
