from collections import Counter

input()
counts = Counter(map(int, input().split()))
top = max(counts.values())
print(min(v for v, c in counts.items() if c == top))
