def max_subarray(values):
    best = float("-inf")
    running = 0
    for v in values:
        running += v
        if running > best:
            best = running
        if running < 0:
            running = 0
    return best


input()
print(max_subarray([int(t) for t in input().split()]))
