"""Bundled example networks."""

from importlib import resources

from .graph import Network, load_edge_list


def karate_club_path():
    return resources.files("dengdim") / "data" / "karate.txt"


def karate_club() -> Network:
    """Zachary's karate club: 34 members, 78 friendships."""
    return load_edge_list(karate_club_path().read_bytes(), name="ZKC")
