"""Test suite for alcove-cat."""
