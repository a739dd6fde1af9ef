import java.io.BufferedReader;
import java.io.InputStreamReader;

// Small helper wrapping console input behind a single call.
public class Console {
    public static String readLine() {
        try {
            return new BufferedReader(new InputStreamReader(System.in)).readLine();
        } catch (Exception e) {
            return "";
        }
    }
}
