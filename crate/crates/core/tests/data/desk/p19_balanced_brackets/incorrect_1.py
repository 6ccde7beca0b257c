import sys

def balanced(s):
    counts = {"(": 0, "[": 0, "{": 0}
    match = {")": "(", "]": "[", "}": "{"}
    for ch in s:
        if ch in counts:
            counts[ch] += 1
        elif ch in match:
            counts[match[ch]] -= 1
            if counts[match[ch]] < 0:
                return False
    return all(v == 0 for v in counts.values())

print("YES" if balanced(sys.stdin.readline().strip()) else "NO")
