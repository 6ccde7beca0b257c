import sys

def anagrams(x, y):
    if len(x) != len(y):
        return False
    for ch in x:
        if ch not in y:
            return False
    return True

x = sys.stdin.readline().strip()
y = sys.stdin.readline().strip()
sys.stdout.write(("YES" if anagrams(x, y) else "NO") + "\n")
