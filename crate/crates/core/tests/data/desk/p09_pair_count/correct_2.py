from collections import Counter

n, k = map(int, input().split())
a = list(map(int, input().split()))
cnt = Counter(a)
total = 0
for x, c in cnt.items():
    y = k - x
    if x < y:
        total += c * cnt.get(y, 0)
    elif x == y:
        total += c * (c - 1) // 2
print(total)
