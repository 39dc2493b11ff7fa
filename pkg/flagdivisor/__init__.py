"""Anti-canonical divisors of type A partial flag varieties in Pluecker coordinates."""
