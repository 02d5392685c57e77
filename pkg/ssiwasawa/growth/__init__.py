"""Main terms of corank and Sha growth, and stable quotient sizes."""
