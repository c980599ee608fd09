"""triarena: a lightweight evaluation arena for multimodal agents.

Three environments (Sokoban box pushing, a small football simulation,
webpage reconstruction scoring), a planner harness that runs external
agents against them over a simple wire protocol, and the metrics used
to aggregate and report results.
"""

__version__ = "0.1.0"
