import java.util.*;

public class Main {
    public static void main(String[] args) {
        Scanner sc = new Scanner(System.in);
        int n = sc.nextInt();
        long low = Long.MAX_VALUE, best = 0;
        for (int i = 0; i < n; i++) {
            long x = sc.nextLong();
            low = Math.min(low, x);
            best = Math.max(best, x - low);
        }
        System.out.println(best);
    }
}
