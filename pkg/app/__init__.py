"""orbitdx: exact Darboux coordinates on coadjoint orbits of GL(N, C)."""
