n = int(input())
iv = sorted(tuple(map(int, input().split())) for _ in range(n))
count = 0
end = None
for l, r in iv:
    if end is None or l > end:
        count += 1
        end = r
    else:
        end = max(end, r)
print(count)
