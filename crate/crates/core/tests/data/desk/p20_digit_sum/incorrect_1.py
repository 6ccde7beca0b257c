def digits(v):
    total = 0
    while v >= 10:
        total += v % 10
        v //= 10
    return total

print(digits(int(input())))
