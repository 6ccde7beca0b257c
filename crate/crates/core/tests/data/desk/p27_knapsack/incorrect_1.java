import java.util.*;

public class Main {
    public static void main(String[] args) {
        Scanner in = new Scanner(System.in);
        int n = in.nextInt();
        int cap = in.nextInt();
        int[][] items = new int[n][2];
        for (int i = 0; i < n; i++) {
            items[i][0] = in.nextInt();
            items[i][1] = in.nextInt();
        }
        Arrays.sort(items, (a, b) -> Double.compare((double) b[1] / b[0], (double) a[1] / a[0]));
        long total = 0;
        for (int[] it : items) {
            if (it[0] <= cap) {
                cap -= it[0];
                total += it[1];
            }
        }
        System.out.println(total);
    }
}
