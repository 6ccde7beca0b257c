def count_primes(limit):
    if limit < 2:
        return 0
    composite = bytearray(limit + 1)
    count = 0
    for k in range(2, limit + 1):
        if not composite[k]:
            count += 1
            for m in range(k * k, limit + 1, k):
                composite[m] = 1
    return count


print(count_primes(int(input())))
