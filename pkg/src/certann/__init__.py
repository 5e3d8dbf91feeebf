"""certann - c-approximate near-neighbor search in l_p without false negatives."""
