import java.util.*;

public class Main {
    public static void main(String[] args) {
        Scanner in = new Scanner(System.in);
        int n = in.nextInt();
        int[][] spans = new int[n][];
        for (int i = 0; i < n; i++) spans[i] = new int[] {in.nextInt(), in.nextInt()};
        Arrays.sort(spans, Comparator.comparingInt(s -> s[0]));
        int groups = n > 0 ? 1 : 0;
        for (int i = 1; i < n; i++) {
            if (spans[i][0] > spans[i - 1][1]) groups++;
        }
        System.out.println(groups);
    }
}
