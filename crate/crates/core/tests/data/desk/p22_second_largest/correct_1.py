n = int(input())
a = set(map(int, input().split()))
if len(a) < 2:
    print(-1)
else:
    print(sorted(a)[-2])
