def is_pal(s):
    i, j = 0, len(s) - 1
    while i < j:
        if s[i] != s[j]:
            return False
        i += 1
        j -= 1
    return True


word = input().strip()
if is_pal(word):
    print("YES")
else:
    print("NO")
