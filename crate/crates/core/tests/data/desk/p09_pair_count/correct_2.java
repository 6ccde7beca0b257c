import java.io.*;
import java.util.*;

public class Main {
    public static void main(String[] args) throws IOException {
        BufferedReader br = new BufferedReader(new InputStreamReader(System.in));
        StringTokenizer st = new StringTokenizer(br.readLine());
        int n = Integer.parseInt(st.nextToken());
        long k = Long.parseLong(st.nextToken());
        long[] a = new long[n];
        st = new StringTokenizer(br.readLine());
        for (int i = 0; i < n; i++) a[i] = Long.parseLong(st.nextToken());
        Arrays.sort(a);
        long count = 0;
        int i = 0, j = n - 1;
        while (i < j) {
            long s = a[i] + a[j];
            if (s < k) {
                i++;
            } else if (s > k) {
                j--;
            } else if (a[i] == a[j]) {
                long m = j - i + 1;
                count += m * (m - 1) / 2;
                break;
            } else {
                long ci = 1, cj = 1;
                while (i + 1 < j && a[i + 1] == a[i]) { i++; ci++; }
                while (j - 1 > i && a[j - 1] == a[j]) { j--; cj++; }
                count += ci * cj;
                i++;
                j--;
            }
        }
        System.out.println(count);
    }
}
