import sys

word = sys.stdin.readline().strip()
left = 0
right = len(word)
result = "YES"
while left < right:
    if word[left] != word[right - 1]:
        result = "NO"
    left += 1
    right -= 2
print(result)
