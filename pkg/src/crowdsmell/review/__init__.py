"""Human-in-the-loop review: candidates, verdicts, durable session store."""

from .store import Candidate, ReviewSession, Verdict, generate_candidates
from .service import create_app

__all__ = [
    "Candidate",
    "ReviewSession",
    "Verdict",
    "create_app",
    "generate_candidates",
]
