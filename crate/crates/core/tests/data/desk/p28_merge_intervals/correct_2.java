import java.io.*;
import java.util.*;

public class Main {
    public static void main(String[] args) throws IOException {
        BufferedReader br = new BufferedReader(new InputStreamReader(System.in));
        int n = Integer.parseInt(br.readLine().trim());
        List<int[]> list = new ArrayList<>();
        for (int i = 0; i < n; i++) {
            StringTokenizer st = new StringTokenizer(br.readLine());
            list.add(new int[] {Integer.parseInt(st.nextToken()), Integer.parseInt(st.nextToken())});
        }
        list.sort(Comparator.comparingInt(a -> a[0]));
        Deque<int[]> merged = new ArrayDeque<>();
        for (int[] cur : list) {
            if (!merged.isEmpty() && cur[0] <= merged.peekLast()[1]) {
                merged.peekLast()[1] = Math.max(merged.peekLast()[1], cur[1]);
            } else {
                merged.addLast(cur);
            }
        }
        System.out.println(merged.size());
    }
}
