import java.io.*;
import javax.swing.*;

public class IOSystemCardReader {
    private HashTable ioActions = new HashTable();

    public IOSystemCardReader() {
    }
}
