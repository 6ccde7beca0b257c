n = int(input())
prime = n >= 2
i = 2
while i * i <= n:
    if n % i == 0:
        prime = False
        break
    i += 1
print("YES" if prime else "NO")
