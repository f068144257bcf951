"""tutorloop: inner-loop feedback engine for a dialogue tutoring system."""

__version__ = "0.1.0"
