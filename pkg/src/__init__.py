"""entdist: entanglement distribution protocol simulator."""
