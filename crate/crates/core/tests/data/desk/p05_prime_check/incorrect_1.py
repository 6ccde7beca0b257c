def check(num):
    divisors = [d for d in range(2, int(num ** 0.5)) if num % d == 0]
    return len(divisors) == 0

value = int(input())
answer = "YES" if check(value) else "NO"
print(answer)
