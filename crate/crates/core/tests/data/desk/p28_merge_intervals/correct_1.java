import java.util.*;

public class Main {
    public static void main(String[] args) {
        Scanner sc = new Scanner(System.in);
        int n = sc.nextInt();
        long[][] iv = new long[n][2];
        for (int i = 0; i < n; i++) {
            iv[i][0] = sc.nextLong();
            iv[i][1] = sc.nextLong();
        }
        Arrays.sort(iv, (a, b) -> Long.compare(a[0], b[0]));
        int count = 0;
        long end = Long.MIN_VALUE;
        for (long[] p : iv) {
            if (count == 0 || p[0] > end) {
                count++;
                end = p[1];
            } else {
                end = Math.max(end, p[1]);
            }
        }
        System.out.println(count);
    }
}
