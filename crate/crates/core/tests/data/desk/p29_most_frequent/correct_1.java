import java.util.*;

public class Main {
    public static void main(String[] args) {
        Scanner sc = new Scanner(System.in);
        int n = sc.nextInt();
        TreeMap<Integer, Integer> freq = new TreeMap<>();
        for (int i = 0; i < n; i++) freq.merge(sc.nextInt(), 1, Integer::sum);
        int best = 0, bestCount = -1;
        for (Map.Entry<Integer, Integer> e : freq.entrySet()) {
            if (e.getValue() > bestCount) {
                best = e.getKey();
                bestCount = e.getValue();
            }
        }
        System.out.println(best);
    }
}
