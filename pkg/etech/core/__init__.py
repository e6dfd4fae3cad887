"""Core simulation, planning and configuration for etech."""
